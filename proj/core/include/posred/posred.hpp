#pragma once

#include "posred/distalg.hpp"
#include "posred/error.hpp"
#include "posred/factorize.hpp"
#include "posred/monotone.hpp"
#include "posred/nnls.hpp"
#include "posred/numerics.hpp"
#include "posred/pipeline.hpp"
#include "posred/possys.hpp"
