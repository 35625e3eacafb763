#pragma once

#include "coherekit/core.hpp"
#include "coherekit/figures.hpp"
#include "coherekit/gaussian.hpp"
#include "coherekit/harness.hpp"
#include "coherekit/io.hpp"
#include "coherekit/linalg.hpp"
#include "coherekit/measures.hpp"
#include "coherekit/measures_opt.hpp"
#include "coherekit/qstate.hpp"
#include "coherekit/random.hpp"
#include "coherekit/report.hpp"
#include "coherekit/solver.hpp"
