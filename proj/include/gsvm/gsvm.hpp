#pragma once

// Umbrella header.

#include "gsvm/core.hpp"
#include "gsvm/extensions.hpp"
#include "gsvm/batch.hpp"
#include "gsvm/online.hpp"
#include "gsvm/reductions.hpp"
#include "gsvm/refsolver.hpp"
#include "gsvm/io.hpp"
