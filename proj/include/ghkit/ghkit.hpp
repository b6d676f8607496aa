#pragma once

#include "ghkit/bijection_builder.hpp"
#include "ghkit/distortion.hpp"
#include "ghkit/error.hpp"
#include "ghkit/gh_search.hpp"
#include "ghkit/io.hpp"
#include "ghkit/metric_space.hpp"
#include "ghkit/surjective.hpp"
