#pragma once

#include "catsense/errors.hpp"
#include "catsense/fock.hpp"
#include "catsense/io.hpp"
#include "catsense/statistics.hpp"
#include "catsense/subplanck.hpp"
#include "catsense/wavefunction.hpp"
#include "catsense/wigner.hpp"
