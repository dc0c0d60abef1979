#pragma once

#include "sps/befd.hpp"
#include "sps/dynamics.hpp"
#include "sps/errors.hpp"
#include "sps/grid.hpp"
#include "sps/ground_state.hpp"
#include "sps/model.hpp"
#include "sps/poisson.hpp"
#include "sps/sine_transform.hpp"
