#pragma once

// Umbrella header for the knockout pricing library.

#include "knockout/contract.hpp"
#include "knockout/jacobi.hpp"
#include "knockout/lagrange.hpp"
#include "knockout/oracles.hpp"
#include "knockout/pricer.hpp"
#include "knockout/quadrature.hpp"
#include "knockout/transform.hpp"
