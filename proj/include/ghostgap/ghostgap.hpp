#pragma once

// Umbrella header for the ghostgap laboratory.

#include "ghostgap/combinatorics.hpp"
#include "ghostgap/concept_class.hpp"
#include "ghostgap/config.hpp"
#include "ghostgap/constructors.hpp"
#include "ghostgap/domain.hpp"
#include "ghostgap/enumeration.hpp"
#include "ghostgap/errors.hpp"
#include "ghostgap/families.hpp"
#include "ghostgap/harness.hpp"
#include "ghostgap/rational.hpp"
#include "ghostgap/report.hpp"
#include "ghostgap/rng.hpp"
#include "ghostgap/symmetrization.hpp"
#include "ghostgap/version.hpp"
