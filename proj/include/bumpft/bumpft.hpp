#pragma once

// Umbrella header: bump family, saddle-point asymptotics, oscillatory
// quadrature, comparison harness and serialization.

#include <bumpft/complex.hpp>  // principal-branch powers and logs
#include <bumpft/bump.hpp>     // f_{alpha,beta} and its Fourier exponents
#include <bumpft/saddle.hpp>   // saddle point, curvature, asymptotic F(k)
#include <bumpft/oscquad.hpp>  // Filon-Clenshaw-Curtis and Gauss-Kronrod
#include <bumpft/harness.hpp>  // sweeps, envelope fits, normalization
#include <bumpft/io.hpp>       // CSV / JSON
