#pragma once

#include "probcons/rational.hpp"
#include "probcons/formula.hpp"
#include "probcons/parser.hpp"
#include "probcons/upset.hpp"
#include "probcons/semantics.hpp"
#include "probcons/linprog.hpp"
#include "probcons/models.hpp"
#include "probcons/consequence.hpp"
#include "probcons/analysis.hpp"
#include "probcons/serialize.hpp"
