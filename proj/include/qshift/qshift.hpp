#pragma once

#include "qshift/analysis.hpp"
#include "qshift/builders.hpp"
#include "qshift/circuit.hpp"
#include "qshift/parallel_fixture.hpp"
#include "qshift/passes.hpp"
#include "qshift/pipeline.hpp"
#include "qshift/qasm.hpp"
#include "qshift/simulator.hpp"
#include "qshift/verify.hpp"
#include "qshift/walk.hpp"
