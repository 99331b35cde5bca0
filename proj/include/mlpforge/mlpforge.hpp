#pragma once

// Umbrella header for the library (the CLI front end lives in cli.hpp).

#include "mlpforge/activation.hpp"
#include "mlpforge/data.hpp"
#include "mlpforge/error.hpp"
#include "mlpforge/io.hpp"
#include "mlpforge/network.hpp"
#include "mlpforge/numfmt.hpp"
#include "mlpforge/rng.hpp"
#include "mlpforge/train.hpp"
