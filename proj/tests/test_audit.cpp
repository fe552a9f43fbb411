#include "geoconst/geoconst.hpp"
