#pragma once

#include "hardyball/errors.hpp"
#include "hardyball/complex_linalg.hpp"
#include "hardyball/ball_geometry.hpp"
#include "hardyball/kernel_spaces.hpp"
#include "hardyball/classification.hpp"
#include "hardyball/random.hpp"
