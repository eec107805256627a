#pragma once

#include "hgks/core.hpp"
#include "hgks/moments.hpp"
#include "hgks/microslope.hpp"
#include "hgks/flux.hpp"
#include "hgks/quadrature.hpp"
#include "hgks/basis.hpp"
#include "hgks/mesh.hpp"
#include "hgks/runtime.hpp"
#include "hgks/dg.hpp"
#include "hgks/integrator.hpp"
#include "hgks/cases.hpp"
#include "hgks/solver.hpp"
#include "hgks/io.hpp"
