#pragma once

#include "arith.hpp"
#include "bundle.hpp"
#include "chamber.hpp"
#include "cone.hpp"
#include "cox.hpp"
#include "error.hpp"
#include "fan.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "mmp.hpp"
#include "off.hpp"
#include "pipeline.hpp"
#include "polytope.hpp"
#include "singularity.hpp"
#include "variety.hpp"
