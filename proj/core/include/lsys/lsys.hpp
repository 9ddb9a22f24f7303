#pragma once

#include "lsys/canonical.hpp"
#include "lsys/dataset.hpp"
#include "lsys/eval.hpp"
#include "lsys/grammar.hpp"
#include "lsys/image_io.hpp"
#include "lsys/manifest_io.hpp"
#include "lsys/prediction_io.hpp"
#include "lsys/random.hpp"
#include "lsys/raster.hpp"
#include "lsys/turtle.hpp"
#include "lsys/word.hpp"
