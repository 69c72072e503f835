#pragma once

#include "barnorm/errors.hpp"
#include "barnorm/matrix2.hpp"
#include "barnorm/oracle.hpp"
#include "barnorm/polar_norm.hpp"
#include "barnorm/problem.hpp"
#include "barnorm/relaxation.hpp"
#include "barnorm/report.hpp"
#include "barnorm/sphere.hpp"
