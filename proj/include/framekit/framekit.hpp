#ifndef FRAMEKIT_FRAMEKIT_HPP
#define FRAMEKIT_FRAMEKIT_HPP

#include "correspondence.hpp"
#include "error.hpp"
#include "frames.hpp"
#include "generate.hpp"
#include "linalg.hpp"
#include "povm.hpp"
#include "reconstruction.hpp"
#include "rng.hpp"
#include "tolerances.hpp"

#endif // FRAMEKIT_FRAMEKIT_HPP
