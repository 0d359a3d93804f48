#pragma once

#include "qwalk/core.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/fft.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/lambda.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/asymptotics.hpp"
