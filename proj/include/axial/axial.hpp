#pragma once

// Umbrella header.

#include "axial/algebra.hpp"
#include "axial/analysis.hpp"
#include "axial/catalog.hpp"
#include "axial/constructions.hpp"
#include "axial/errors.hpp"
#include "axial/field.hpp"
#include "axial/freepoly.hpp"
#include "axial/gradedsym.hpp"
#include "axial/linalg.hpp"
#include "axial/peirce.hpp"
