#pragma once

#include "ntrulab/harness/cache.hpp"
#include "ntrulab/harness/experiment.hpp"
#include "ntrulab/harness/presets.hpp"
#include "ntrulab/harness/report.hpp"
