#pragma once
// Umbrella header.
#include "terp/core/field.hpp"
#include "terp/core/matrix.hpp"
#include "terp/core/mpoly.hpp"
#include "terp/core/signature.hpp"
#include "terp/core/subspace.hpp"
#include "terp/core/weight_filtration.hpp"
#include "terp/model/lattice.hpp"
#include "terp/model/section.hpp"
#include "terp/model/topological_data.hpp"
#include "terp/model/validate_top.hpp"
#include "terp/model/window.hpp"
#include "terp/classifying/ansatz.hpp"
#include "terp/classifying/graded.hpp"
#include "terp/classifying/pmhs.hpp"
#include "terp/classifying/spectrum.hpp"
#include "terp/classifying/symplectic.hpp"
#include "terp/twistor/pmts.hpp"
#include "terp/twistor/scan.hpp"
#include "terp/twistor/twistor.hpp"
#include "terp/limits/family.hpp"
#include "terp/limits/limit.hpp"
#include "terp/limits/ratfun.hpp"
#include "terp/io/model.hpp"
#include "terp/io/report.hpp"
