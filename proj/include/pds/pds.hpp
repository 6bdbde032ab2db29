#pragma once

#include "pds/coeff_algebra.hpp"
#include "pds/errors.hpp"
#include "pds/extension.hpp"
#include "pds/freedom.hpp"
#include "pds/graph.hpp"
#include "pds/invariance.hpp"
#include "pds/io.hpp"
#include "pds/markov.hpp"
#include "pds/representation.hpp"
#include "pds/system.hpp"
