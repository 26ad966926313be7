#pragma once

// Frenet apparatus, harmonic curvature functions and eikonal slant-helix
// verification for non-null curves in flat pseudo-Euclidean R^n.

#include "helixlab/errors.hpp"
#include "helixlab/tolerances.hpp"
#include "helixlab/pseudometric.hpp"
#include "helixlab/taylor.hpp"
#include "helixlab/curve.hpp"
#include "helixlab/grid.hpp"
#include "helixlab/frenet.hpp"
#include "helixlab/harmonic.hpp"
#include "helixlab/eikonal.hpp"
#include "helixlab/gallery.hpp"
#include "helixlab/io.hpp"
#include "helixlab/cli.hpp"
