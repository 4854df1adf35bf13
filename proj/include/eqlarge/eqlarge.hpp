#pragma once

#include "error.hpp"
#include "subset.hpp"
#include "group.hpp"
#include "structure.hpp"
#include "catalog.hpp"
#include "word.hpp"
#include "supercommutator.hpp"
#include "largeness.hpp"
#include "probability.hpp"
#include "verifier.hpp"
