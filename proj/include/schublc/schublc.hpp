#pragma once

#include "schublc/error.hpp"
#include "schublc/young.hpp"
#include "schublc/dyck.hpp"
#include "schublc/verma.hpp"
#include "schublc/sparse.hpp"
#include "schublc/cousin.hpp"
#include "schublc/verify.hpp"
#include "schublc/det.hpp"
#include "schublc/io.hpp"
