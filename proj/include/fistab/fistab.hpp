#ifndef FISTAB_FISTAB_HPP
#define FISTAB_FISTAB_HPP

#include "fistab/error.hpp"
#include "fistab/rational.hpp"
#include "fistab/permutation.hpp"
#include "fistab/partition.hpp"
#include "fistab/permgroup.hpp"
#include "fistab/characters.hpp"
#include "fistab/fiset.hpp"
#include "fistab/multiplicity.hpp"
#include "fistab/linalg.hpp"
#include "fistab/relation.hpp"
#include "fistab/bivariate.hpp"
#include "fistab/spectra.hpp"
#include "fistab/config.hpp"
#include "fistab/report.hpp"
#include "fistab/commands.hpp"

#endif  // FISTAB_FISTAB_HPP
