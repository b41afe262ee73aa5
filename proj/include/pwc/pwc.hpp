#pragma once

#include "pwc/analytic.hpp"
#include "pwc/beamform_image.hpp"
#include "pwc/beamformers/coherence.hpp"
#include "pwc/beamformers/das.hpp"
#include "pwc/beamformers/fdmas.hpp"
#include "pwc/beamformers/jcf.hpp"
#include "pwc/beamformers/minvar.hpp"
#include "pwc/config.hpp"
#include "pwc/dataset.hpp"
#include "pwc/dataset_io.hpp"
#include "pwc/display.hpp"
#include "pwc/error.hpp"
#include "pwc/geometry.hpp"
#include "pwc/metrics.hpp"
#include "pwc/pgm.hpp"
#include "pwc/pipeline.hpp"
#include "pwc/signal_matrix.hpp"
#include "pwc/simulator.hpp"
