#pragma once

#include "qaction/analysis.hpp"
#include "qaction/error.hpp"
#include "qaction/evolution.hpp"
#include "qaction/experiments.hpp"
#include "qaction/hamiltonian.hpp"
#include "qaction/models/cavity.hpp"
#include "qaction/models/directory.hpp"
#include "qaction/models/grover.hpp"
#include "qaction/models/prep.hpp"
#include "qaction/models/shor.hpp"
#include "qaction/numtheory.hpp"
#include "qaction/perturbation.hpp"
#include "qaction/spectral.hpp"
#include "qaction/state.hpp"
#include "qaction/stats.hpp"
#include "qaction/timing.hpp"
