#ifndef SPHERE_QMC_SPHERE_QMC_HPP
#define SPHERE_QMC_SPHERE_QMC_HPP

#include "descriptor.hpp"
#include "discrepancy.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "isotropic.hpp"
#include "levelcurve.hpp"
#include "parallel.hpp"
#include "points.hpp"
#include "rng.hpp"

#endif  // SPHERE_QMC_SPHERE_QMC_HPP
