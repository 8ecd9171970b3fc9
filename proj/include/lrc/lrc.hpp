#pragma once

#include "lrc/bounds.hpp"
#include "lrc/code.hpp"
#include "lrc/codec.hpp"
#include "lrc/cwc.hpp"
#include "lrc/error.hpp"
#include "lrc/gf.hpp"
#include "lrc/io.hpp"
#include "lrc/matrix.hpp"
#include "lrc/verify.hpp"
