#pragma once

#include "h4/errors.hpp"
#include "h4/zrt2.hpp"
#include "h4/matrix.hpp"
#include "h4/surd.hpp"
#include "h4/group.hpp"
#include "h4/expansion.hpp"
#include "h4/rosen.hpp"
#include "h4/best.hpp"
#include "h4/uniform.hpp"
#include "h4/corpus.hpp"
