#pragma once

#include "xiboot/bootstrap.hpp"
#include "xiboot/calibration.hpp"
#include "xiboot/errors.hpp"
#include "xiboot/m_selection.hpp"
#include "xiboot/metrics.hpp"
#include "xiboot/models.hpp"
#include "xiboot/normal.hpp"
#include "xiboot/parallel.hpp"
#include "xiboot/rank.hpp"
#include "xiboot/rng.hpp"
#include "xiboot/sample.hpp"
#include "xiboot/study.hpp"
#include "xiboot/version.hpp"
#include "xiboot/xi.hpp"
