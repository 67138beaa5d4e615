#pragma once

#include "dsm/diagsum.hpp"
#include "dsm/doubly_stochastic.hpp"
#include "dsm/erdos3.hpp"
#include "dsm/errors.hpp"
#include "dsm/explore.hpp"
#include "dsm/matrix.hpp"
#include "dsm/matrix_io.hpp"
#include "dsm/random.hpp"
#include "dsm/rational.hpp"
#include "dsm/report_json.hpp"
#include "dsm/weakform.hpp"
