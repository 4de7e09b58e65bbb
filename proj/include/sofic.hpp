#pragma once

#include "sofic/certificate_io.hpp"
#include "sofic/chunk.hpp"
#include "sofic/chunk_io.hpp"
#include "sofic/gadgets.hpp"
#include "sofic/gchunk_io.hpp"
#include "sofic/growth.hpp"
#include "sofic/lazyperm.hpp"
#include "sofic/perm.hpp"
#include "sofic/profile.hpp"
#include "sofic/rational.hpp"
#include "sofic/realization.hpp"
