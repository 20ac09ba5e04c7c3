#ifndef MODGLUE_MODGLUE_HPP
#define MODGLUE_MODGLUE_HPP

#include "errors.hpp"
#include "validation.hpp"
#include "lattice.hpp"
#include "tolerance.hpp"
#include "mcs.hpp"
#include "gluing.hpp"
#include "dissection.hpp"
#include "roundtrip.hpp"
#include "generators.hpp"
#include "io.hpp"

#endif
