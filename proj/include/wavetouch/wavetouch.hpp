#pragma once

// Umbrella header for the whole toolkit.

#include "wavetouch/classify.hpp"
#include "wavetouch/errors.hpp"
#include "wavetouch/export.hpp"
#include "wavetouch/features.hpp"
#include "wavetouch/fft.hpp"
#include "wavetouch/material.hpp"
#include "wavetouch/model_io.hpp"
#include "wavetouch/simulate.hpp"
#include "wavetouch/spectrum.hpp"
#include "wavetouch/trial_io.hpp"
#include "wavetouch/waveform.hpp"
