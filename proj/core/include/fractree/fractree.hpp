#pragma once

// Umbrella header for the fractree core library.

#include "fractree/coding.hpp"
#include "fractree/dimension.hpp"
#include "fractree/error.hpp"
#include "fractree/graph.hpp"
#include "fractree/io.hpp"
#include "fractree/parry.hpp"
#include "fractree/tree.hpp"
#include "fractree/word.hpp"
