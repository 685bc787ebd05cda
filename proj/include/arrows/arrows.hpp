#pragma once

// Streaming forecasting for total-variation bounded sequences: adaptive
// restarting of online averages driven by Haar-wavelet soft-thresholding,
// optimally tuned linear baselines, synthetic ground-truth generators, and
// dynamic-regret evaluation.

#include "arrows/baselines.hpp"
#include "arrows/errors.hpp"
#include "arrows/evaluation.hpp"
#include "arrows/haar.hpp"
#include "arrows/io.hpp"
#include "arrows/policy.hpp"
#include "arrows/sequences.hpp"
#include "arrows/streaming_haar.hpp"
#include "arrows/trace.hpp"
