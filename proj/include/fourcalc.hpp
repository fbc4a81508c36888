#pragma once

#include "fourcalc/integer.hpp"
#include "fourcalc/matrix.hpp"
#include "fourcalc/lattice.hpp"
#include "fourcalc/laurent.hpp"
#include "fourcalc/fourmanifold.hpp"
#include "fourcalc/knots.hpp"
#include "fourcalc/monodromy.hpp"
#include "fourcalc/plumbing.hpp"
#include "fourcalc/report.hpp"
#include "fourcalc/pipelines.hpp"
#include "fourcalc/io.hpp"
