#pragma once

#include "polycobar/algebra.hpp"
#include "polycobar/bracket.hpp"
#include "polycobar/cobar.hpp"
#include "polycobar/complexes.hpp"
#include "polycobar/error.hpp"
#include "polycobar/homology.hpp"
#include "polycobar/integer.hpp"
#include "polycobar/json_io.hpp"
#include "polycobar/smith.hpp"
#include "polycobar/whitehead.hpp"
