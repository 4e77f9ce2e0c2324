#pragma once

#include "eudoxus/fraction.hpp"
#include "eudoxus/cut.hpp"
#include "eudoxus/linalg.hpp"
#include "eudoxus/jordan.hpp"
#include "eudoxus/polyhedral.hpp"
#include "eudoxus/cone_space.hpp"
#include "eudoxus/derivation.hpp"
#include "eudoxus/face.hpp"
#include "eudoxus/spectral.hpp"
#include "eudoxus/ratio.hpp"
#include "eudoxus/classic.hpp"
#include "eudoxus/quadrature.hpp"
#include "eudoxus/conjunct.hpp"
#include "eudoxus/krein.hpp"
#include "eudoxus/cone_spec_io.hpp"
#include "eudoxus/report.hpp"
