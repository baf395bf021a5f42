#pragma once

#include <spectratope/error.hpp>
#include <spectratope/hadamard.hpp>
#include <spectratope/io.hpp>
#include <spectratope/linalg.hpp>
#include <spectratope/matrix.hpp>
#include <spectratope/perron.hpp>
#include <spectratope/polyhedra.hpp>
#include <spectratope/rational.hpp>
#include <spectratope/realize.hpp>
#include <spectratope/spectrum.hpp>
