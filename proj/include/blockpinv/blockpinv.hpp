#pragma once

#include "blockpinv/matrix.hpp"
#include "blockpinv/svd.hpp"
#include "blockpinv/io.hpp"
#include "blockpinv/gen_inverse.hpp"
#include "blockpinv/block_mpi.hpp"
#include "blockpinv/projectors.hpp"
