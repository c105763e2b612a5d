#pragma once

#include "vlink/brauer.hpp"
#include "vlink/diagram.hpp"
#include "vlink/error.hpp"
#include "vlink/gram.hpp"
#include "vlink/join.hpp"
#include "vlink/linalg.hpp"
#include "vlink/partition_function.hpp"
#include "vlink/quantum_diagram.hpp"
#include "vlink/rational.hpp"
#include "vlink/solver.hpp"
#include "vlink/theorem_fixtures.hpp"
#include "vlink/vertex_model.hpp"
