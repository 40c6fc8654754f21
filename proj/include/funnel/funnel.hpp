#pragma once

// Umbrella header for the funnel-transform line detection library.

#include "funnel/detect.hpp"
#include "funnel/funnel3d.hpp"
#include "funnel/image.hpp"
#include "funnel/noise.hpp"
#include "funnel/parammap.hpp"
#include "funnel/radon.hpp"
#include "funnel/scene.hpp"
#include "funnel/spectral.hpp"
#include "funnel/transform.hpp"
