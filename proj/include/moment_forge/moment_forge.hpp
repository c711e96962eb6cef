#pragma once

// Umbrella header for the whole library.
#include "moment_forge/error.hpp"
#include "moment_forge/parallel.hpp"
#include "moment_forge/arith/diagonal.hpp"
#include "moment_forge/arith/divisor_table.hpp"
#include "moment_forge/arith/g_local.hpp"
#include "moment_forge/arith/number_theory.hpp"
#include "moment_forge/arith/shift_multiset.hpp"
#include "moment_forge/arith/symmetric.hpp"
#include "moment_forge/arith/table_cache.hpp"
#include "moment_forge/arith/window.hpp"
#include "moment_forge/formal/calculus.hpp"
#include "moment_forge/formal/identities.hpp"
#include "moment_forge/formal/instances.hpp"
#include "moment_forge/formal/laurent.hpp"
#include "moment_forge/formal/seqfun.hpp"
#include "moment_forge/formal/series.hpp"
#include "moment_forge/recipe/euler_product.hpp"
#include "moment_forge/recipe/perturb.hpp"
#include "moment_forge/recipe/recipe.hpp"
#include "moment_forge/recipe/residues.hpp"
#include "moment_forge/recipe/swaps.hpp"
#include "moment_forge/recipe/zeta.hpp"
#include "moment_forge/empirical/automorphism.hpp"
#include "moment_forge/empirical/compare.hpp"
#include "moment_forge/empirical/correlation.hpp"
#include "moment_forge/empirical/farey.hpp"
#include "moment_forge/empirical/mean_square.hpp"
#include "moment_forge/empirical/report.hpp"
#include "moment_forge/cli/options.hpp"
#include "moment_forge/cli/run.hpp"
#include "moment_forge/cli/selftest.hpp"
