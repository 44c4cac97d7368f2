#pragma once

#include "automorphism.hpp"
#include "catalog.hpp"
#include "common.hpp"
#include "fk.hpp"
#include "group_ring.hpp"
#include "invariants.hpp"
#include "laurent.hpp"
#include "magnus.hpp"
#include "mahler.hpp"
#include "matrix.hpp"
#include "pik.hpp"
#include "roots.hpp"
#include "word.hpp"
