#include "arith.h"
