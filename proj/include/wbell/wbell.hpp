#ifndef WBELL_WBELL_HPP
#define WBELL_WBELL_HPP

#include "wbell/error.hpp"
#include "wbell/linalg.hpp"
#include "wbell/relativity.hpp"
#include "wbell/scenario.hpp"
#include "wbell/nelder_mead.hpp"
#include "wbell/bell.hpp"
#include "wbell/config.hpp"
#include "wbell/report.hpp"
#include "wbell/figures.hpp"

#endif // WBELL_WBELL_HPP
