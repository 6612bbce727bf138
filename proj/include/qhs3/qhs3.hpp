#pragma once

#include "qhs3/bracket.hpp"
#include "qhs3/eig3.hpp"
#include "qhs3/errors.hpp"
#include "qhs3/integrate.hpp"
#include "qhs3/mat3.hpp"
#include "qhs3/normal_form.hpp"
#include "qhs3/random.hpp"
#include "qhs3/system.hpp"
#include "qhs3/system_io.hpp"
#include "qhs3/vec3.hpp"
