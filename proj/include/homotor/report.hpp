#ifndef HOMOTOR_REPORT_HPP
#define HOMOTOR_REPORT_HPP

#include <cstddef>
#include <deque>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "monomial.hpp"

namespace homotor {

struct Witness {
    Multidegree degree;
    int index = 0;
    long expected = 0;
    long actual = 0;
    std::string note;
};

/// One checked statement. Informational and skipped items never fail a report.
struct Assertion {
    std::string name;
    bool passed = true;
    bool informational = false;
    bool skipped = false;
    std::string detail;
    std::vector<Witness> witnesses;

    static constexpr std::size_t max_witnesses = 8;

    void fail(Witness w) {
        passed = false;
        if (witnesses.size() < max_witnesses) witnesses.push_back(std::move(w));
    }
};

struct CheckReport {
    std::deque<Assertion> assertions;  // stable references across add()
    std::vector<std::pair<std::string, bool>> flags;
    std::vector<std::pair<std::string, long>> values;

    bool ok() const {
        for (const auto& a : assertions)
            if (!a.informational && !a.skipped && !a.passed) return false;
        return true;
    }
    void flag(std::string k, bool v) { flags.emplace_back(std::move(k), v); }
    void value(std::string k, long v) { values.emplace_back(std::move(k), v); }
    Assertion& add(std::string name, std::string detail = {}, bool informational = false) {
        Assertion a;
        a.name = std::move(name);
        a.detail = std::move(detail);
        a.informational = informational;
        assertions.push_back(std::move(a));
        return assertions.back();
    }
    Assertion& skip(std::string name, std::string reason) {
        Assertion& a = add(std::move(name), std::move(reason));
        a.skipped = true;
        return a;
    }
    const Assertion* find(const std::string& name) const {
        for (const auto& a : assertions)
            if (a.name == name) return &a;
        return nullptr;
    }
    bool flag_value(const std::string& k) const {
        for (const auto& [n, v] : flags)
            if (n == k) return v;
        return false;
    }
    void merge(const CheckReport& o, const std::string& prefix) {
        for (auto a : o.assertions) {
            a.name = prefix + a.name;
            assertions.push_back(std::move(a));
        }
        for (const auto& [k, v] : o.flags) flags.emplace_back(prefix + k, v);
        for (const auto& [k, v] : o.values) values.emplace_back(prefix + k, v);
    }
};

/// Compares two degreewise dimension functions on every degree of a box for the listed indices.
inline void compare_dims(Assertion& a, const DegreeBox& box, const std::vector<int>& indices,
                         const std::function<long(int, const Multidegree&)>& expected,
                         const std::function<long(int, const Multidegree&)>& actual, const std::string& note = {}) {
    for (std::size_t k = 0; k < box.size(); ++k) {
        Multidegree g = box.at(k);
        for (int i : indices) {
            long e = expected(i, g), v = actual(i, g);
            if (e != v) a.fail({g, i, e, v, note});
        }
    }
}

}  // namespace homotor

#endif
