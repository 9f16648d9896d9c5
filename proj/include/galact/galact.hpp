#pragma once

#include "galact/brute_reps.hpp"
#include "galact/characters.hpp"
#include "galact/error.hpp"
#include "galact/finite_field.hpp"
#include "galact/groups.hpp"
#include "galact/linalg.hpp"
#include "galact/module_lab.hpp"
#include "galact/module_scans.hpp"
#include "galact/numtheory.hpp"
#include "galact/parallel.hpp"
#include "galact/polynomial.hpp"
#include "galact/rank_oracle.hpp"
#include "galact/smith.hpp"
#include "galact/verifier.hpp"
