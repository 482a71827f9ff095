#ifndef TROPGC_TROPGC_HPP
#define TROPGC_TROPGC_HPP

#include <tropgc/rational.hpp>
#include <tropgc/linalg.hpp>
#include <tropgc/fourier_motzkin.hpp>
#include <tropgc/chambers.hpp>
#include <tropgc/graph.hpp>
#include <tropgc/canonical.hpp>
#include <tropgc/enumeration.hpp>
#include <tropgc/complexes.hpp>
#include <tropgc/spectral.hpp>

#endif // TROPGC_TROPGC_HPP
