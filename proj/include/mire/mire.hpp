#pragma once

#include "mire/commands.hpp"
#include "mire/equalize.hpp"
#include "mire/histogram.hpp"
#include "mire/image.hpp"
#include "mire/image_io.hpp"
#include "mire/metrics.hpp"
#include "mire/random.hpp"
#include "mire/report.hpp"
#include "mire/scenes.hpp"
#include "mire/simulate.hpp"
#include "mire/tv_baseline.hpp"
