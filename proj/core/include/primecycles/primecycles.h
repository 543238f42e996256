#pragma once

#include "primecycles/analytic.h"
#include "primecycles/cycle_classes.h"
#include "primecycles/errors.h"
#include "primecycles/exact_enum.h"
#include "primecycles/primes.h"
#include "primecycles/report.h"
#include "primecycles/sampler.h"
#include "primecycles/verify.h"
