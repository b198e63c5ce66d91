import java.util.ArrayList;
import java.util.List;

class HeartDiseaseRisks extends RiskChecker {
  protected List<PatientRiskFactor> getDiseaseRiskFactors() {
    List<PatientRiskFactor> factors = new ArrayList<>();
    factors.add(new HeartAgeFactor(patient, 45));
    factors.add(new HypertensionFactor(currentHealthRecord));
    return factors;
  }
}

class HeartAgeFactor implements PatientRiskFactor {
  private Patient patient;
  private int age;

  HeartAgeFactor(Patient patient, int age) {
    this.patient = patient;
    this.age = age;
  }

  public boolean hasRiskFactor() {
    return hasFactor();
  }

  public boolean hasFactor() {
    return patient.getAge() > age;
  }
}
