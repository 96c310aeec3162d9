#pragma once
// Umbrella header: the whole library.

#include "polynorm/core.hpp"
#include "polynorm/geometry.hpp"
#include "polynorm/normals.hpp"
#include "polynorm/spherical.hpp"
#include "polynorm/nicefaces.hpp"
#include "polynorm/coloring.hpp"
#include "polynorm/searchverify.hpp"
#include "polynorm/io.hpp"
