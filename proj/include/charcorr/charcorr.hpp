#pragma once

#include "asym.hpp"
#include "chars.hpp"
#include "common.hpp"
#include "corr.hpp"
#include "experiments.hpp"
#include "gf.hpp"
#include "optim.hpp"
#include "parallel.hpp"
#include "seqgen.hpp"
