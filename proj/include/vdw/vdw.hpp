#pragma once

#include "vdw/certificates.hpp"
#include "vdw/cnf.hpp"
#include "vdw/core.hpp"
#include "vdw/error.hpp"
#include "vdw/external.hpp"
#include "vdw/outcome.hpp"
#include "vdw/search.hpp"
#include "vdw/solver.hpp"
