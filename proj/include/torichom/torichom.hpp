#pragma once

// Umbrella header.

#include "torichom/exact_linalg.hpp"
#include "torichom/sparse.hpp"
#include "torichom/exterior.hpp"
#include "torichom/polyhedral.hpp"
#include "torichom/fan.hpp"
#include "torichom/stanley_reisner.hpp"
#include "torichom/cohomology.hpp"
#include "torichom/borel_moore.hpp"
#include "torichom/fan_io.hpp"
#include "torichom/report.hpp"
