#pragma once

// Umbrella header for the whole library.

#include "counterexample.hpp"
#include "default_registry.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "hellinger.hpp"
#include "io.hpp"
#include "manifest.hpp"
#include "quasimeasure.hpp"
#include "randomness.hpp"
#include "rational.hpp"
#include "real.hpp"
#include "registry.hpp"
#include "sampling.hpp"
#include "semimeasure.hpp"
#include "staged.hpp"
#include "strings.hpp"
