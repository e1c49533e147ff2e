#pragma once

// apps: prime counting and prime power sums in arithmetic progressions.
// Umbrella header.

#include "apps/errors.hpp"
#include "apps/rational.hpp"
#include "apps/residue.hpp"
#include "apps/kahan.hpp"
#include "apps/format.hpp"
#include "apps/sieve.hpp"
#include "apps/threshold.hpp"
#include "apps/power_sum.hpp"
#include "apps/prime_statistics.hpp"
#include "apps/quadrature.hpp"
#include "apps/logarithmic_integral.hpp"
#include "apps/mertens.hpp"
#include "apps/abel.hpp"
#include "apps/tables.hpp"
#include "apps/theorem2.hpp"
#include "apps/race.hpp"
