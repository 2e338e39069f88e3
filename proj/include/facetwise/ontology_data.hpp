// Copyright 2026 The Facetwise Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Named occupations for the synthetic job ontology. Occupations past the end
// of this table, and facet slots past the listed names, get generated names.

#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace facetwise::ontology_data {

struct OccupationSeed {
  std::string_view title;
  std::string_view family;
  std::array<std::string_view, 16> domain_knowledge;
  std::array<std::string_view, 2> functions;
  std::array<std::string_view, 2> industries;
  std::vector<std::string_view> workplace;
};

inline const std::vector<OccupationSeed>& occupations() {
  static const std::vector<OccupationSeed> kTable = {
      {"registered nurse", "healthcare",
       {"Telemetry", "Cardiology", "Critical Care", "Pediatrics", "Oncology",
        "Emergency Medicine", "Labor and Delivery", "Medical Surgical",
        "Dialysis", "Wound Care", "Geriatrics", "Home Health",
        "Case Management", "Infection Control", "Patient Education",
        "Neonatal Care"},
       {"Nursing", "Patient Care"},
       {"Healthcare", "Hospitals"},
       {"Remote"}},
      {"pharmacist", "healthcare",
       {"Pharmacology", "Compounding", "Medication Therapy Management",
        "Clinical Pharmacy", "Drug Interactions", "Immunizations",
        "Sterile Preparation", "Pharmacokinetics", "Retail Pharmacy",
        "Oncology Pharmacy", "Formulary Management", "Controlled Substances",
        "Prior Authorization", "Pharmacy Informatics", "Toxicology",
        "Nuclear Pharmacy"},
       {"Pharmacy Operations", "Medication Management"},
       {"Pharmaceuticals", "Retail Health"},
       {"On-site"}},
      {"physical therapist", "healthcare",
       {"Orthopedics", "Sports Rehabilitation", "Manual Therapy",
        "Neurological Rehabilitation", "Vestibular Therapy", "Gait Training",
        "Post Surgical Rehab", "Pelvic Health", "Aquatic Therapy",
        "Pediatric Therapy", "Ergonomics", "Dry Needling", "Kinesiology",
        "Cardiopulmonary Rehab", "Balance Training", "Prosthetic Training"},
       {"Rehabilitation", "Therapy Services"},
       {"Outpatient Clinics", "Sports Medicine"},
       {"On-site", "Hybrid"}},
      {"attorney", "legal",
       {"Litigation", "Corporate Law", "Intellectual Property",
        "Employment Law", "Real Estate Law", "Family Law", "Criminal Defense",
        "Mergers and Acquisitions", "Securities Regulation", "Bankruptcy",
        "Immigration Law", "Tax Law", "Environmental Law",
        "Contract Negotiation", "Appellate Practice", "Antitrust"},
       {"Legal Counsel", "Advocacy"},
       {"Legal Services", "Law Firms"},
       {"Hybrid", "On-site"}},
      {"paralegal", "legal",
       {"Legal Research", "E-Discovery", "Document Review", "Case Filing",
        "Deposition Preparation", "Trial Preparation", "Legal Drafting",
        "Docketing", "Subpoena Processing", "Title Search",
        "Estate Planning Support", "Corporate Filings", "Trademark Filing",
        "Court Forms", "Records Retrieval", "Medical Records Review"},
       {"Legal Support", "Case Administration"},
       {"Corporate Legal", "Government Legal"},
       {"Remote", "Hybrid"}},
      {"software engineer", "software",
       {"Backend Development", "Distributed Systems", "Microservices",
        "API Design", "Frontend Development", "Mobile Development",
        "Embedded Systems", "Compilers", "Game Development",
        "Systems Programming", "Concurrency", "Code Review",
        "Test Automation", "Performance Tuning", "Database Internals",
        "Web Security"},
       {"Engineering", "Software Development"},
       {"Software", "Internet"},
       {"Remote", "Hybrid"}},
      {"data scientist", "software",
       {"Machine Learning", "Statistical Modeling", "Deep Learning",
        "Natural Language Processing", "Computer Vision", "AB Testing",
        "Causal Inference", "Time Series Forecasting",
        "Recommender Systems", "Feature Engineering", "Bayesian Methods",
        "Experiment Design", "Data Visualization", "Anomaly Detection",
        "Reinforcement Learning", "Survival Analysis"},
       {"Data Science", "Analytics"},
       {"Artificial Intelligence", "Consumer Technology"},
       {"Remote", "Hybrid"}},
      {"devops engineer", "software",
       {"Kubernetes", "Infrastructure as Code", "CI/CD Pipelines",
        "Site Reliability", "Cloud Infrastructure", "Observability",
        "Incident Response", "Containerization", "Configuration Management",
        "Release Engineering", "Service Mesh", "Linux Administration",
        "Networking", "Capacity Planning", "Cost Optimization",
        "Disaster Recovery"},
       {"Operations", "Platform Engineering"},
       {"Cloud Computing", "IT Services"},
       {"Remote"}},
      {"accountant", "finance",
       {"Tax Preparation", "Auditing", "Bookkeeping", "Payroll",
        "Accounts Payable", "Accounts Receivable", "GAAP Reporting",
        "Forensic Accounting", "Cost Accounting", "Revenue Recognition",
        "Fixed Assets", "Month End Close", "Reconciliation", "Sales Tax",
        "Nonprofit Accounting", "Internal Controls"},
       {"Accounting", "Finance"},
       {"Accounting Firms", "Financial Services"},
       {"Hybrid", "On-site"}},
      {"financial analyst", "finance",
       {"Financial Modeling", "Budgeting", "Forecasting", "Valuation",
        "Equity Research", "Variance Analysis", "Investor Relations",
        "Credit Analysis", "Treasury", "Capital Planning", "FP&A",
        "Risk Modeling", "Portfolio Analysis", "Due Diligence",
        "Pricing Strategy", "Scenario Planning"},
       {"Financial Planning", "Investment Analysis"},
       {"Banking", "Investment Management"},
       {"Hybrid"}},
      {"electrician", "trades",
       {"Residential Wiring", "Commercial Wiring", "Industrial Controls",
        "Solar Installation", "Panel Upgrades", "Low Voltage",
        "Conduit Bending", "Motor Controls", "Fire Alarm Systems",
        "Lighting Retrofits", "Generator Installation", "Electrical Code",
        "Troubleshooting", "Blueprint Reading", "EV Charger Installation",
        "High Voltage"},
       {"Electrical Installation", "Maintenance"},
       {"Construction", "Utilities"},
       {"On-site"}},
      {"plumber", "trades",
       {"Pipe Fitting", "Drain Cleaning", "Water Heaters", "Gas Lines",
        "Backflow Testing", "Sewer Repair", "Fixture Installation",
        "Hydronic Heating", "Leak Detection", "Commercial Plumbing",
        "Service Plumbing", "Septic Systems", "Water Treatment",
        "Medical Gas", "Plumbing Code", "Boiler Systems"},
       {"Plumbing Service", "Repair"},
       {"Facilities Management", "Home Services"},
       {"On-site"}},
      {"teacher", "education",
       {"Special Education", "Early Childhood", "STEM Education",
        "English Language Learners", "Curriculum Design",
        "Classroom Management", "Literacy Instruction",
        "Mathematics Instruction", "Science Instruction", "Music Education",
        "Physical Education", "Online Teaching", "Differentiated Instruction",
        "Assessment Design", "Social Studies", "Art Education"},
       {"Instruction", "Curriculum Development"},
       {"K-12 Education", "Education Technology"},
       {"On-site", "Remote"}},
      {"school counselor", "education",
       {"College Advising", "Crisis Intervention", "Social Emotional Learning",
        "Career Counseling", "Academic Planning", "Bullying Prevention",
        "Group Counseling", "Student Wellness", "Attendance Intervention",
        "Family Outreach", "Behavior Plans", "Grief Counseling",
        "Scholarship Guidance", "Peer Mediation", "Trauma Informed Care",
        "Section 504 Plans"},
       {"Counseling", "Student Services"},
       {"Higher Education", "Public Schools"},
       {"On-site"}},
      {"sales representative", "sales",
       {"Cold Calling", "Lead Generation", "B2B Sales",
        "Territory Management", "Solution Selling", "Inside Sales",
        "Outside Sales", "Medical Device Sales", "SaaS Sales", "Retail Sales",
        "Pipeline Management", "Negotiation", "Prospecting", "Channel Sales",
        "Trade Shows", "Quota Attainment"},
       {"Sales", "Business Development"},
       {"Wholesale", "Medical Devices"},
       {"Remote", "Hybrid"}},
      {"account manager", "sales",
       {"Client Retention", "Upselling", "Key Accounts", "Customer Success",
        "Contract Renewals", "Relationship Management", "Business Reviews",
        "Account Planning", "Client Onboarding", "Churn Reduction",
        "Enterprise Accounts", "Stakeholder Management",
        "CRM Administration", "Service Level Agreements",
        "Escalation Handling", "Cross Selling"},
       {"Account Management", "Customer Relations"},
       {"Advertising", "Telecommunications"},
       {"Hybrid"}},
      {"marketing manager", "marketing",
       {"Brand Strategy", "SEO", "Content Marketing", "Email Marketing",
        "Paid Social", "Product Marketing", "Marketing Automation",
        "Demand Generation", "Market Research", "Public Relations",
        "Event Marketing", "Influencer Marketing", "Growth Marketing",
        "Marketing Analytics", "Copywriting", "Affiliate Marketing"},
       {"Marketing", "Communications"},
       {"Consumer Goods", "Media"},
       {"Hybrid", "Remote"}},
      {"graphic designer", "marketing",
       {"Typography", "Branding Design", "Illustration", "Motion Graphics",
        "Packaging Design", "UI Design", "Print Design", "Layout Design",
        "Photo Editing", "Logo Design", "Infographics", "Web Design",
        "Adobe Creative Suite", "Visual Identity", "Presentation Design",
        "3D Rendering"},
       {"Design", "Creative Services"},
       {"Design Agencies", "Publishing"},
       {"Remote", "Hybrid"}},
      {"truck driver", "logistics",
       {"CDL Class A", "Hazmat Endorsement", "Long Haul", "Local Delivery",
        "Flatbed", "Tanker", "Refrigerated Freight", "Dry Van", "Intermodal",
        "Route Planning", "Vehicle Inspection", "Electronic Logging",
        "Load Securement", "Doubles Triples", "Owner Operator",
        "Dedicated Routes"},
       {"Transportation", "Delivery"},
       {"Trucking", "Freight"},
       {"On-site"}},
      {"warehouse associate", "logistics",
       {"Forklift Operation", "Order Picking", "Inventory Control",
        "Shipping and Receiving", "Packing", "Cycle Counting", "Pallet Jack",
        "RF Scanning", "Loading Dock", "Returns Processing", "Kitting",
        "Cross Docking", "Warehouse Safety", "Cold Storage",
        "Material Handling", "Reach Truck"},
       {"Warehouse Operations", "Fulfillment"},
       {"Logistics", "E-commerce"},
       {"On-site"}},
  };
  return kTable;
}

inline const std::vector<std::string_view>& workplace_types() {
  static const std::vector<std::string_view> kTypes = {"Remote", "Hybrid",
                                                       "On-site"};
  return kTypes;
}

// Query decorations that never collide with a facet name.
inline const std::vector<std::string_view>& query_modifiers() {
  static const std::vector<std::string_view> kModifiers = {
      "senior",  "junior",     "lead",      "entry level", "staff",
      "principal", "travel",   "contract",  "part time",   "full time",
      "night shift", "new grad", "experienced", "jobs",    "hiring",
      "near me",  "openings",  "careers",   "ii",          "temporary"};
  return kModifiers;
}

// Syllables for generated names.
inline const std::vector<std::string_view>& syllables() {
  static const std::vector<std::string_view> kSyllables = {
      "ka", "ro", "ven", "tal", "mi",  "sor", "du", "lex", "pra", "no",
      "vi", "tra", "shen", "bo", "qua", "rel", "zin", "mor", "fa", "gel"};
  return kSyllables;
}

}  // namespace facetwise::ontology_data
