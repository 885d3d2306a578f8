// oposim.hpp — umbrella header for the cascaded-OPO entanglement simulator.

#pragma once

#include "oposim/config.hpp"
#include "oposim/covariance.hpp"
#include "oposim/covariance_io.hpp"
#include "oposim/eigen.hpp"
#include "oposim/entanglement.hpp"
#include "oposim/errors.hpp"
#include "oposim/matrix.hpp"
#include "oposim/opo.hpp"
#include "oposim/report_io.hpp"
#include "oposim/scan.hpp"
#include "oposim/symplectic.hpp"
