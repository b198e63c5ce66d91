class Wave {
  double nyquist;

  double getNyquist() {
    return nyquist;
  }
}

class Spectrogram {
  double maxFreq;
  Wave wave;

  void check() {
    if(maxFreq > wave.getNyquist())
      clamp();
  }

  void clamp() {}
}
