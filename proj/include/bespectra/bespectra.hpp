#pragma once

#include "bespectra/confluent.hpp"
#include "bespectra/csv.hpp"
#include "bespectra/drift_spectra.hpp"
#include "bespectra/errors.hpp"
#include "bespectra/model_manifold.hpp"
#include "bespectra/ode_eigen.hpp"
#include "bespectra/parallel.hpp"
#include "bespectra/perturbation.hpp"
#include "bespectra/pi_poly.hpp"
#include "bespectra/sweeps.hpp"
#include "bespectra/verify.hpp"
