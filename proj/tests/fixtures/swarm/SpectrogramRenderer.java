class Settings {
  double spectrogramMaxFreq;
}

class Wave {
  double nyquist;

  double getNyquist() {
    return nyquist;
  }
}

class SpectrogramRenderer {
  Settings settings;
  Wave wave;

  void renderWave() {
    prepare();
    processSettings();
    draw();
  }

  void processSettings() {
    if (settings.spectrogramMaxFreq > wave.getNyquist()) {
      settings.spectrogramMaxFreq = wave.getNyquist();
    }
  }

  void prepare() {}

  void draw() {}
}
