#pragma once

#include "monogenic/clifford.hpp"
#include "monogenic/errors.hpp"
#include "monogenic/fueter.hpp"
#include "monogenic/growth.hpp"
#include "monogenic/io.hpp"
#include "monogenic/multiindex.hpp"
#include "monogenic/operator.hpp"
#include "monogenic/random.hpp"
#include "monogenic/sampling.hpp"
#include "monogenic/scalar.hpp"
#include "monogenic/series.hpp"
#include "monogenic/verify.hpp"
