#ifndef QOMP_QOMP_HPP
#define QOMP_QOMP_HPP

#include "arith.hpp"
#include "errors.hpp"
#include "genfun.hpp"
#include "lattice.hpp"
#include "ltseries.hpp"
#include "motivic.hpp"
#include "oracle.hpp"
#include "polyhedra.hpp"
#include "qocore.hpp"

#endif
