#ifndef CAPKIN_CAPKIN_HPP
#define CAPKIN_CAPKIN_HPP

// Umbrella header: bounded-capacity kinetic compartmental networks —
// graph model, induced reaction network and Petri net, persistence
// certificates, and the numerical dynamics toolbox.

#include "capkin/conservation.hpp"
#include "capkin/crn.hpp"
#include "capkin/equilibrium.hpp"
#include "capkin/errors.hpp"
#include "capkin/exact_lp.hpp"
#include "capkin/graph.hpp"
#include "capkin/integrate.hpp"
#include "capkin/io.hpp"
#include "capkin/persistence.hpp"
#include "capkin/petri.hpp"
#include "capkin/rate.hpp"
#include "capkin/rational.hpp"
#include "capkin/reduced.hpp"
#include "capkin/tolerances.hpp"
#include "capkin/verify.hpp"

#endif
