#pragma once

#include "hzeta/asymptotics.hpp"
#include "hzeta/bernoulli.hpp"
#include "hzeta/bigreal.hpp"
#include "hzeta/diophantine.hpp"
#include "hzeta/dirichlet.hpp"
#include "hzeta/errors.hpp"
#include "hzeta/expansion.hpp"
#include "hzeta/hankel.hpp"
#include "hzeta/kronecker.hpp"
#include "hzeta/rational.hpp"
#include "hzeta/report.hpp"
#include "hzeta/selftest.hpp"
