pub struct GluedStructure;
pub struct PeriodLedger;
pub struct SurgeryData;
pub struct SurgerySite;
