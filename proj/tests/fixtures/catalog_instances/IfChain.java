class PickData {
  static final int EMERGENT = 0;
  static final int IMPULSIVE = 1;
  static final int UNKNOWN = 2;
  int onset;

  void describe() {
    if(onset == EMERGENT) { markEmergent(); } else if(onset == IMPULSIVE) { markImpulsive(); } else if(onset == UNKNOWN) { markUnknown(); }
  }

  void markEmergent() {}
  void markImpulsive() {}
  void markUnknown() {}
}
