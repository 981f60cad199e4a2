#pragma once

#include "favest/core_types.hpp"
#include "favest/parallel.hpp"
#include "favest/legendre.hpp"
#include "favest/scalar_transforms.hpp"
#include "favest/wigner3j.hpp"
#include "favest/clebsch_gordan.hpp"
#include "favest/vsh.hpp"
#include "favest/metrics.hpp"
#include "favest/transforms.hpp"
#include "favest/quadrature.hpp"
#include "favest/tangent_fields.hpp"
#include "favest/diagnostics.hpp"
#include "favest/io.hpp"
