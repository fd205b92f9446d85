#include "rmwb.h"
