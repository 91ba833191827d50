/* Compiled as C to keep the public header free of C++-only constructs. */
#include "twomeans/twomeans.h"

int tm_c_header_check(void) {
  tm_lloyd_options options;
  tm_lloyd_options_default(&options);
  return options.init == TM_INIT_ANTIPODAL;
}
