#pragma once

#include "surf4/catalog.hpp"
#include "surf4/chart.hpp"
#include "surf4/errors.hpp"
#include "surf4/exprlang.hpp"
#include "surf4/frenet.hpp"
#include "surf4/invariants.hpp"
#include "surf4/linalg.hpp"
#include "surf4/surface_file.hpp"
