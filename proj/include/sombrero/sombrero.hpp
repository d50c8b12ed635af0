#pragma once

#include "sombrero/eigensolver.hpp"
#include "sombrero/potential.hpp"
#include "sombrero/roots.hpp"
#include "sombrero/solvers.hpp"
#include "sombrero/trial.hpp"
#include "sombrero/verify.hpp"
#include "sombrero/wavefunction.hpp"
