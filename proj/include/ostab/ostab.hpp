#pragma once

// Umbrella header for the ostab library.

#include "ostab/axiom_report.hpp"
#include "ostab/direct_method.hpp"
#include "ostab/errors.hpp"
#include "ostab/eval_map.hpp"
#include "ostab/experiment.hpp"
#include "ostab/fspace.hpp"
#include "ostab/map_model.hpp"
#include "ostab/ortho.hpp"
#include "ostab/rational.hpp"
#include "ostab/report_io.hpp"
#include "ostab/stability_additive.hpp"
#include "ostab/stability_quadratic.hpp"
#include "ostab/stability_report.hpp"
