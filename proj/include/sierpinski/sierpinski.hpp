#pragma once

#include "sierpinski/errors.hpp"
#include "sierpinski/graph.hpp"
#include "sierpinski/ham_decomp.hpp"
#include "sierpinski/io.hpp"
#include "sierpinski/net_props.hpp"
#include "sierpinski/oracle.hpp"
#include "sierpinski/sampling.hpp"
#include "sierpinski/steiner_pack.hpp"
#include "sierpinski/word.hpp"
