class VersionComparator {
  Version that;
  int major;

  int getMajor() {
    return major;
  }

  void compare() {
    int delta = getMajor() - that.getMajor(); if (delta == 0);
  }
}

class Version {
  int major;

  int getMajor() {
    return major;
  }
}
