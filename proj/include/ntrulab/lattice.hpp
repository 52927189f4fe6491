#pragma once

#include "ntrulab/lattice/babai.hpp"
#include "ntrulab/lattice/basis.hpp"
#include "ntrulab/lattice/bkz.hpp"
#include "ntrulab/lattice/enumeration.hpp"
#include "ntrulab/lattice/gso.hpp"
#include "ntrulab/lattice/lll.hpp"
