#include <array>
#include <string_view>
#include <utility>

#include "crimepat/preprocess.hpp"

namespace crimepat {
namespace {

constexpr std::string_view kLaCategories[] = {
    "ARSON",
    "ASSAULT WITH DEADLY WEAPON ON POLICE OFFICER",
    "ASSAULT WITH DEADLY WEAPON, AGGRAVATED ASSAULT",
    "ATTEMPTED ROBBERY",
    "BATTERY - SIMPLE ASSAULT",
    "BATTERY ON A FIREFIGHTER",
    "BATTERY POLICE (SIMPLE)",
    "BATTERY WITH SEXUAL CONTACT",
    "BEASTIALITY, CRIME AGAINST NATURE SEXUAL ASSLT WITH ANIM",
    "BIGAMY",
    "BIKE - ATTEMPTED STOLEN",
    "BIKE - STOLEN",
    "BLOCKING DOOR INDUCTION CENTER",
    "BOAT - STOLEN",
    "BOMB SCARE",
    "BRANDISH WEAPON",
    "BRIBERY",
    "BUNCO, ATTEMPT",
    "BUNCO, GRAND THEFT",
    "BUNCO, PETTY THEFT",
    "BURGLARY",
    "BURGLARY FROM VEHICLE",
    "BURGLARY FROM VEHICLE, ATTEMPTED",
    "BURGLARY, ATTEMPTED",
    "CHILD ABANDONMENT",
    "CHILD ABUSE (PHYSICAL) - AGGRAVATED ASSAULT",
    "CHILD ABUSE (PHYSICAL) - SIMPLE ASSAULT",
    "CHILD ANNOYING (17YRS & UNDER)",
    "CHILD NEGLECT (SEE 300 W.I.C.)",
    "CHILD PORNOGRAPHY",
    "CHILD STEALING",
    "CONSPIRACY",
    "CONTEMPT OF COURT",
    "CONTRIBUTING",
    "COUNTERFEIT",
    "CREDIT CARDS, FRAUD USE ($950 & UNDER",
    "CREDIT CARDS, FRAUD USE ($950.01 & OVER)",
    "CRIMINAL HOMICIDE",
    "CRIMINAL THREATS - NO WEAPON DISPLAYED",
    "CRM AGNST CHLD (13 OR UNDER) (14-15 & SUSP 10 YRS OLDER)",
    "CRUELTY TO ANIMALS",
    "DEFRAUDING INNKEEPER/THEFT OF SERVICES, $950 & UNDER",
    "DEFRAUDING INNKEEPER/THEFT OF SERVICES, OVER $950.01",
    "DISCHARGE FIREARMS/SHOTS FIRED",
    "DISHONEST EMPLOYEE - GRAND THEFT",
    "DISHONEST EMPLOYEE - PETTY THEFT",
    "DISHONEST EMPLOYEE ATTEMPTED THEFT",
    "DISRUPT SCHOOL",
    "DISTURBING THE PEACE",
    "DOCUMENT FORGERY / STOLEN FELONY",
    "DOCUMENT WORTHLESS ($200 & UNDER)",
    "DOCUMENT WORTHLESS ($200.01 & OVER)",
    "DRIVING WITHOUT OWNER CONSENT (DWOC)",
    "DRUGS, TO A MINOR",
    "DRUNK ROLL",
    "DRUNK ROLL - ATTEMPT",
    "EMBEZZLEMENT, GRAND THEFT ($950.01 & OVER)",
    "EMBEZZLEMENT, PETTY THEFT ($950 & UNDER)",
    "EXTORTION",
    "FAILURE TO DISPERSE",
    "FAILURE TO YIELD",
    "FALSE IMPRISONMENT",
    "FALSE POLICE REPORT",
    "FIREARMS EMERGENCY PROTECTIVE ORDER (FIREARMS EPO)",
    "FIREARMS RESTRAINING ORDER (FIREARMS RO)",
    "GRAND THEFT / AUTO REPAIR",
    "GRAND THEFT / INSURANCE FRAUD",
    "HUMAN TRAFFICKING - COMMERCIAL SEX ACTS",
    "HUMAN TRAFFICKING - INVOLUNTARY SERVITUDE",
    "ILLEGAL DUMPING",
    "INCEST (SEXUAL ACTS BETWEEN BLOOD RELATIVES)",
    "INCITING A RIOT",
    "INDECENT EXPOSURE",
    "INTIMATE PARTNER - AGGRAVATED ASSAULT",
    "INTIMATE PARTNER - SIMPLE ASSAULT",
    "KIDNAPPING",
    "KIDNAPPING - GRAND ATTEMPT",
    "LETTERS, LEWD  -  TELEPHONE CALLS, LEWD",
    "LEWD CONDUCT",
    "LEWD/LASCIVIOUS ACTS WITH CHILD",
    "LIQUOR LAWS",
    "LYNCHING",
    "LYNCHING - ATTEMPTED",
    "MANSLAUGHTER, NEGLIGENT",
    "NARCOTICS",
    "ORAL COPULATION",
    "OTHER ASSAULT",
    "OTHER MISCELLANEOUS CRIME",
    "PANDERING",
    "PEEPING TOM",
    "PETTY THEFT - AUTO REPAIR",
    "PICKPOCKET",
    "PICKPOCKET, ATTEMPT",
    "PIMPING",
    "PROWLER",
    "PURSE SNATCHING",
    "PURSE SNATCHING - ATTEMPT",
    "RAPE, ATTEMPTED",
    "RAPE, FORCIBLE",
    "RECKLESS DRIVING",
    "REPLICA FIREARMS(SALE,DISPLAY,MANUFACTURE OR DISTRIBUTE)",
    "RESISTING ARREST",
    "ROBBERY",
    "SEX OFFENDER REGISTRANT OUT OF COMPLIANCE",
    "SEX,UNLAWFUL(INC MUTUAL CONSENT, PENETRATION W/ FRGN OBJ",
    "SEXUAL PENETRATION W/FOREIGN OBJECT",
    "SHOPLIFTING - ATTEMPT",
    "SHOPLIFTING - PETTY THEFT ($950 & UNDER)",
    "SHOPLIFTING-GRAND THEFT ($950.01 & OVER)",
    "SHOTS FIRED AT INHABITED DWELLING",
    "SHOTS FIRED AT MOVING VEHICLE, TRAIN OR AIRCRAFT",
    "SODOMY/SEXUAL CONTACT B/W PENIS OF ONE PERS TO ANUS OTH",
    "STALKING",
    "TELEPHONE PROPERTY - DAMAGE",
    "THEFT FROM MOTOR VEHICLE - ATTEMPT",
    "THEFT FROM MOTOR VEHICLE - GRAND ($400 AND OVER)",
    "THEFT FROM MOTOR VEHICLE - PETTY ($950 & UNDER)",
    "THEFT FROM PERSON - ATTEMPT",
    "THEFT OF IDENTITY",
    "THEFT PLAIN - ATTEMPT",
    "THEFT PLAIN - PETTY ($950 & UNDER)",
    "THEFT, COIN MACHINE - ATTEMPT",
    "THEFT, COIN MACHINE - GRAND ($950.01 & OVER)",
    "THEFT, COIN MACHINE - PETTY ($950 & UNDER)",
    "THEFT, PERSON",
    "THEFT-GRAND ($950.01 & OVER)EXCPT,GUNS,FOWL,LIVESTK,PROD",
    "THREATENING PHONE CALLS/LETTERS",
    "THROWING OBJECT AT MOVING VEHICLE",
    "TILL TAP - ATTEMPT",
    "TILL TAP - GRAND THEFT ($950.01 & OVER)",
    "TILL TAP - PETTY ($950 & UNDER)",
    "TRAIN WRECKING",
    "TRESPASSING",
    "UNAUTHORIZED COMPUTER ACCESS",
    "VANDALISM - FELONY ($400 & OVER, ALL CHURCH VANDALISMS)",
    "VANDALISM - MISDEAMEANOR ($399 OR UNDER)",
    "VEHICLE - ATTEMPT STOLEN",
    "VEHICLE - STOLEN",
    "VEHICLE, STOLEN - OTHER (MOTORIZED SCOOTERS, BIKES, ETC)",
    "VIOLATION OF COURT ORDER",
    "VIOLATION OF RESTRAINING ORDER",
    "VIOLATION OF TEMPORARY RESTRAINING ORDER",
    "WEAPONS POSSESSION/BOMBING",
};

// Ordered: the first keyword found in the lowercase description decides.
constexpr std::pair<std::string_view, CrimeCategory> kRules[] = {
    // Registration and protective-order offenses name sex/weapons but are neither.
    {"sex offender registrant", CrimeCategory::OtherCrimes},
    {"restraining order", CrimeCategory::OtherCrimes},
    {"protective order", CrimeCategory::OtherCrimes},

    {"forgery", CrimeCategory::WhiteCollarCrime},
    {"embezzlement", CrimeCategory::WhiteCollarCrime},
    {"bunco", CrimeCategory::WhiteCollarCrime},
    {"fraud", CrimeCategory::WhiteCollarCrime},
    {"counterfeit", CrimeCategory::WhiteCollarCrime},
    {"document worthless", CrimeCategory::WhiteCollarCrime},
    {"theft of identity", CrimeCategory::WhiteCollarCrime},
    {"dishonest employee", CrimeCategory::WhiteCollarCrime},
    {"defrauding", CrimeCategory::WhiteCollarCrime},
    {"bribery", CrimeCategory::WhiteCollarCrime},
    {"extortion", CrimeCategory::WhiteCollarCrime},
    {"unauthorized computer", CrimeCategory::WhiteCollarCrime},
    {"auto repair", CrimeCategory::WhiteCollarCrime},

    {"drug", CrimeCategory::DrugAlcohol},
    {"narcotic", CrimeCategory::DrugAlcohol},
    {"liquor", CrimeCategory::DrugAlcohol},
    {"alcohol", CrimeCategory::DrugAlcohol},

    {"drunk roll", CrimeCategory::Theft},

    {"assault", CrimeCategory::Assault},
    {"asslt", CrimeCategory::Assault},
    {"battery", CrimeCategory::Assault},
    {"homicide", CrimeCategory::Assault},
    {"manslaughter", CrimeCategory::Assault},
    {"rape", CrimeCategory::Assault},
    {"sexual", CrimeCategory::Assault},
    {"sex,", CrimeCategory::Assault},
    {"sex acts", CrimeCategory::Assault},
    {"sodomy", CrimeCategory::Assault},
    {"oral copulation", CrimeCategory::Assault},
    {"lascivious", CrimeCategory::Assault},
    {"kidnap", CrimeCategory::Assault},
    {"lynching", CrimeCategory::Assault},
    {"criminal threats", CrimeCategory::Assault},
    {"brandish", CrimeCategory::Assault},
    {"shots fired", CrimeCategory::Assault},
    {"child abuse", CrimeCategory::Assault},
    {"crm agnst chld", CrimeCategory::Assault},
    {"child annoying", CrimeCategory::Assault},
    {"child stealing", CrimeCategory::Assault},
    {"child pornography", CrimeCategory::Assault},
    {"stalking", CrimeCategory::Assault},
    {"false imprisonment", CrimeCategory::Assault},
    {"human trafficking", CrimeCategory::Assault},
    {"pimping", CrimeCategory::Assault},
    {"pandering", CrimeCategory::Assault},

    {"theft", CrimeCategory::Theft},
    {"burglary", CrimeCategory::Theft},
    {"robbery", CrimeCategory::Theft},
    {"stolen", CrimeCategory::Theft},
    {"shoplifting", CrimeCategory::Theft},
    {"pickpocket", CrimeCategory::Theft},
    {"purse snatching", CrimeCategory::Theft},
    {"till tap", CrimeCategory::Theft},
    {"owner consent", CrimeCategory::Theft},

    {"vandalism", CrimeCategory::PublicDisorder},
    {"disturbing the peace", CrimeCategory::PublicDisorder},
    {"trespass", CrimeCategory::PublicDisorder},
    {"prowler", CrimeCategory::PublicDisorder},
    {"illegal dumping", CrimeCategory::PublicDisorder},
    {"indecent", CrimeCategory::PublicDisorder},
    {"lewd", CrimeCategory::PublicDisorder},
    {"peeping", CrimeCategory::PublicDisorder},
    {"bomb scare", CrimeCategory::PublicDisorder},
    {"disperse", CrimeCategory::PublicDisorder},
    {"riot", CrimeCategory::PublicDisorder},
    {"telephone property", CrimeCategory::PublicDisorder},
    {"threatening phone", CrimeCategory::PublicDisorder},
    {"disrupt", CrimeCategory::PublicDisorder},
    {"blocking door", CrimeCategory::PublicDisorder},
    {"throwing object", CrimeCategory::PublicDisorder},
};

}  // namespace

std::span<const std::string_view> la_category_vocabulary() { return kLaCategories; }

CrimeCategory la_keyword_category(std::string_view raw_category) {
  for (const auto& [keyword, category] : kRules) {
    if (raw_category.find(keyword) != std::string_view::npos) return category;
  }
  return CrimeCategory::OtherCrimes;
}

}  // namespace crimepat
