#pragma once

// Umbrella header: exact linear algebra over Q and GF(p), common
// eigenvector and invariant subspace machinery, the extremal set-family
// bound, lower-bound family construction, and Helly sweep harnesses.

#include "helly/budgets.hpp"
#include "helly/common_eigenvectors.hpp"
#include "helly/errors.hpp"
#include "helly/family_io.hpp"
#include "helly/harness.hpp"
#include "helly/invariant_subspaces.hpp"
#include "helly/matrix.hpp"
#include "helly/operator_family.hpp"
#include "helly/polynomial.hpp"
#include "helly/scalar.hpp"
#include "helly/set_family.hpp"
#include "helly/sharpness.hpp"
#include "helly/subspace.hpp"

namespace helly {}
