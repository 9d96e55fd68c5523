#pragma once

#include "ckbound/bounds.hpp"
#include "ckbound/cm_appendix.hpp"
#include "ckbound/error.hpp"
#include "ckbound/hilbert.hpp"
#include "ckbound/interval.hpp"
#include "ckbound/json_io.hpp"
#include "ckbound/lambda_c2.hpp"
#include "ckbound/report.hpp"
#include "ckbound/series.hpp"
#include "ckbound/verify.hpp"
