#pragma once

#include "weakrev/dilation.hpp"
#include "weakrev/errors.hpp"
#include "weakrev/infogain.hpp"
#include "weakrev/linalg.hpp"
#include "weakrev/measurement.hpp"
#include "weakrev/monte_carlo.hpp"
#include "weakrev/random.hpp"
#include "weakrev/reversal.hpp"
#include "weakrev/states.hpp"
#include "weakrev/tradeoff.hpp"
