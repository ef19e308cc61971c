#pragma once

// Convenience include for the whole public API.

#include "curvlet/curvature.hpp"
#include "curvlet/dynamics.hpp"
#include "curvlet/edge_drop.hpp"
#include "curvlet/framelet.hpp"
#include "curvlet/graph.hpp"
#include "curvlet/io.hpp"
#include "curvlet/reweight.hpp"
#include "curvlet/rng.hpp"
#include "curvlet/threading.hpp"
#include "curvlet/transport.hpp"
