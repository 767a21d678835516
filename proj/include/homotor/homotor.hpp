#ifndef HOMOTOR_HOMOTOR_HPP
#define HOMOTOR_HOMOTOR_HPP

#include "error.hpp"
#include "field.hpp"
#include "gcomplex.hpp"
#include "monomial.hpp"
#include "multicomplex.hpp"
#include "report.hpp"
#include "spectral.hpp"
#include "subsets.hpp"
#include "sumprod.hpp"
#include "support.hpp"
#include "torlab.hpp"

#endif
