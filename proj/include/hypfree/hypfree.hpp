#pragma once

#include "hypfree/error.hpp"
#include "hypfree/field.hpp"
#include "hypfree/linalg.hpp"
#include "hypfree/arrangement.hpp"
#include "hypfree/lattice.hpp"
#include "hypfree/counting.hpp"
#include "hypfree/multipoly.hpp"
#include "hypfree/derivations.hpp"
#include "hypfree/harness.hpp"
#include "hypfree/census.hpp"
#include "hypfree/io.hpp"
#include "hypfree/report.hpp"
