#pragma once

// Umbrella header: differential-operator systems of the rotation-group
// Fisher integral — exact Weyl/polynomial algebra, Groebner and
// holonomicity machinery, and the numeric oracles that validate the
// operator identities.

#include "sofi/dimension.hpp"
#include "sofi/exp_poly.hpp"
#include "sofi/generators.hpp"
#include "sofi/groebner.hpp"
#include "sofi/monomial.hpp"
#include "sofi/numeric/bessel.hpp"
#include "sofi/numeric/fisher.hpp"
#include "sofi/numeric/haar.hpp"
#include "sofi/numeric/hgm.hpp"
#include "sofi/numeric/quadrature.hpp"
#include "sofi/numeric/rng.hpp"
#include "sofi/parse.hpp"
#include "sofi/pfaffian.hpp"
#include "sofi/polynomial.hpp"
#include "sofi/rational.hpp"
#include "sofi/term_order.hpp"
#include "sofi/variables.hpp"
#include "sofi/weyl.hpp"
#include "sofi/weyl_groebner.hpp"
