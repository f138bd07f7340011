#pragma once

#include "lkt/axioms.hpp"
#include "lkt/checker.hpp"
#include "lkt/cut.hpp"
#include "lkt/error.hpp"
#include "lkt/oracle.hpp"
#include "lkt/parser.hpp"
#include "lkt/proof.hpp"
#include "lkt/proof_json.hpp"
#include "lkt/search.hpp"
#include "lkt/sequent.hpp"
#include "lkt/syntax.hpp"
#include "lkt/transform.hpp"
