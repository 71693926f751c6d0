#include <stdexcept>

#include "newsclf/preprocess/pos_tagger.hpp"

namespace newsclf::preprocess {

namespace {

// Hand-annotated financial news sentences, one per line, `surface/TAG` units
// separated by single spaces. Token conventions match the toolkit tokenizer:
// terminal punctuation detached, `$` fused to amounts, possessives unsplit.
const char* kSampleText = R"SAMPLE(
The/DT company/NN raised/VBD $40.6/CD million/CD in/IN new/JJ funding/NN ./.
Cellular/NNP Dynamics/NNP Raises/VBZ $40.6/CD million/CD
The/DT firm/NN said/VBD it/PRP will/MD acquire/VB the/DT startup/NN for/IN $2/CD billion/CD ./.
Shares/NNS of/IN the/DT maker/NN of/IN chips/NNS rose/VBD 5/CD percent/NN on/IN Tuesday/NNP ./.
The/DT deal/NN is/VBZ expected/VBN to/TO close/VB in/IN the/DT first/JJ quarter/NN of/IN 2004/CD ./.
Investors/NNS bought/VBD shares/NNS in/IN the/DT offering/NN ,/, which/WDT was/VBD oversubscribed/VBN ./.
The/DT board/NN approved/VBD a/DT merger/NN with/IN its/PRP$ largest/JJS rival/NN ./.
Analysts/NNS expect/VBP revenue/NN to/TO grow/VB faster/RBR than/IN costs/NNS ./.
The/DT bank/NN has/VBZ agreed/VBN to/TO buy/VB the/DT lender/NN for/IN cash/NN and/CC stock/NN ./.
Its/PRP$ net/JJ income/NN fell/VBD 12/CD percent/NN from/IN a/DT year/NN earlier/RBR ./.
The/DT startup/NN ,/, founded/VBN in/IN 2004/CD ,/, makes/VBZ software/NN for/IN banks/NNS ./.
He/PRP said/VBD the/DT funding/NN round/NN was/VBD led/VBN by/IN two/CD venture/NN firms/NNS ./.
The/DT company/NN plans/VBZ to/TO use/VB the/DT money/NN to/TO expand/VB its/PRP$ sales/NNS team/NN ./.
Regulators/NNS must/MD approve/VB the/DT transaction/NN before/IN it/PRP can/MD close/VB ./.
The/DT two/CD companies/NNS announced/VBD the/DT agreement/NN on/IN Monday/NNP morning/NN ./.
Under/IN the/DT terms/NNS ,/, shareholders/NNS will/MD receive/VB $12/CD a/DT share/NN in/IN cash/NN ./.
The/DT acquisition/NN gives/VBZ the/DT buyer/NN a/DT foothold/NN in/IN Europe/NNP ./.
Revenue/NN for/IN the/DT quarter/NN was/VBD $98/CD million/CD ,/, up/RB from/IN $76/CD million/CD ./.
The/DT chief/JJ executive/NN said/VBD growth/NN remains/VBZ strong/JJ ./.
They/PRP have/VBP raised/VBN a/DT total/NN of/IN $70/CD million/CD since/IN 2004/CD ./.
The/DT fund/NN invests/VBZ in/IN early/JJ stage/NN technology/NN companies/NNS ./.
A/DT spokesman/NN declined/VBD to/TO comment/VB on/IN the/DT report/NN ./.
The/DT stock/NN closed/VBD at/IN $18.25/CD ,/, down/RB 3/CD percent/NN ./.
Both/DT boards/NNS have/VBP approved/VBN the/DT deal/NN ,/, which/WDT is/VBZ worth/JJ about/RB $5/CD billion/CD ./.
The/DT merger/NN would/MD create/VB the/DT largest/JJS maker/NN of/IN medical/JJ devices/NNS ./.
Sales/NNS grew/VBD 25/CD percent/NN last/JJ year/NN ,/, driven/VBN by/IN demand/NN in/IN Asia/NNP ./.
The/DT company/NN ,/, based/VBN in/IN Madison/NNP ,/, employs/VBZ 300/CD people/NNS ./.
Founded/VBN by/IN a/DT stem/NN cell/NN pioneer/NN ,/, the/DT firm/NN develops/VBZ new/JJ therapies/NNS ./.
The/DT round/NN brings/VBZ total/JJ funding/NN to/TO nearly/RB $100/CD million/CD ./.
Who/WP will/MD lead/VB the/DT combined/VBN company/NN has/VBZ not/RB been/VBN decided/VBN ./.
When/WRB the/DT deal/NN closes/VBZ ,/, the/DT brand/NN will/MD disappear/VB ./.
There/EX is/VBZ no/DT guarantee/NN that/IN the/DT offer/NN will/MD succeed/VB ./.
The/DT investors/NNS include/VBP several/JJ large/JJ pension/NN funds/NNS ./.
Its/PRP$ shares/NNS trade/VBP on/IN the/DT Nasdaq/NNP under/IN the/DT symbol/NN CDXS/NNP ./.
The/DT company/NN reported/VBD a/DT loss/NN of/IN $4.2/CD million/CD ,/, or/CC 12/CD cents/NNS a/DT share/NN ./.
Bankers/NNS say/VBP more/JJR deals/NNS are/VBP likely/JJ this/DT year/NN ./.
The/DT agreement/NN includes/VBZ a/DT breakup/NN fee/NN of/IN $50/CD million/CD ./.
European/JJ regulators/NNS opened/VBD an/DT inquiry/NN into/IN the/DT proposed/VBN merger/NN ./.
The/DT buyout/NN firm/NN offered/VBD $24/CD a/DT share/NN ,/, a/DT 20/CD percent/NN premium/NN ./.
Management/NN rejected/VBD the/DT bid/NN as/IN too/RB low/JJ ./.
The/DT talks/NNS collapsed/VBD after/IN the/DT sides/NNS failed/VBD to/TO agree/VB on/IN price/NN ./.
If/IN the/DT sale/NN goes/VBZ through/RP ,/, creditors/NNS would/MD be/VB repaid/VBN in/IN full/JJ ./.
The/DT new/JJ entity/NN will/MD keep/VB its/PRP$ headquarters/NN in/IN London/NNP ./.
Quarterly/JJ profit/NN beat/VBD estimates/NNS ,/, and/CC the/DT shares/NNS jumped/VBD ./.
The/DT lender/NN also/RB plans/VBZ an/DT initial/JJ public/JJ offering/NN next/JJ year/NN ./.
Young/JJ drug/NN makers/NNS attracted/VBD record/NN amounts/NNS of/IN venture/NN capital/NN ./.
The/DT transaction/NN remains/VBZ subject/JJ to/TO regulatory/JJ approval/NN ./.
Customers/NNS can/MD expect/VB better/JJR prices/NNS after/IN the/DT merger/NN ,/, executives/NNS said/VBD ./.
The/DT company/NN did/VBD not/RB disclose/VB the/DT terms/NNS of/IN the/DT deal/NN ./.
Its/PRP$ valuation/NN doubled/VBD to/TO $3/CD billion/CD in/IN less/JJR than/IN a/DT year/NN ./.
The/DT chip/NN maker/NN warned/VBD that/IN demand/NN is/VBZ slowing/VBG ./.
Most/JJS analysts/NNS rate/VBP the/DT stock/NN a/DT buy/NN ./.
The/DT spinoff/NN will/MD be/VB completed/VBN by/IN the/DT end/NN of/IN June/NNP ./.
Private/JJ equity/NN interest/NN in/IN the/DT sector/NN is/VBZ growing/VBG rapidly/RB ./.
The/DT firm/NN hired/VBD advisers/NNS to/TO explore/VB a/DT possible/JJ sale/NN ./.
Trading/NN in/IN the/DT shares/NNS was/VBD halted/VBN before/IN the/DT announcement/NN ./.
The/DT acquirer/NN will/MD assume/VB about/RB $700/CD million/CD in/IN debt/NN ./.
Employees/NNS were/VBD told/VBN about/IN the/DT layoffs/NNS on/IN Friday/NNP ./.
The/DT deal/NN values/VBZ the/DT target/NN at/IN nine/CD times/NNS its/PRP$ earnings/NNS ./.
Visit/VB the/DT investor/NN page/NN at/IN acme.com/NNP for/IN details/NNS ./.
The/DT offer/NN (/( announced/VBN Monday/NNP )/) surprised/VBD investors/NNS ./.
"/'' We/PRP are/VBP pleased/JJ with/IN the/DT results/NNS ,/, "/'' the/DT founder/NN said/VBD ./.
The/DT unit/NN ,/, known/VBN as/IN Apex/NNP Labs/NNP ,/, was/VBD sold/VBN last/JJ month/NN ./.
Funding/NN came/VBD from/IN angel/NN investors/NNS and/CC a/DT state/NN grant/NN ./.
The/DT companies/NNS hope/VBP to/TO finish/VB integration/NN by/IN early/JJ 2026/CD ./.
The/DT U.S/NNP market/NN remains/VBZ the/DT largest/JJS source/NN of/IN revenue/NN ./.
Apex/NNP Labs/NNP Buys/VBZ Rival/NN for/IN $2/CD billion/CD
The/DT message/NN was/VBD clear/JJ :/: costs/NNS must/MD fall/VB ./.
Maxwell/NNP Reed/NNP ,/, the/DT chief/JJ executive/NN ,/, will/MD retire/VB in/IN March/NNP ./.
Orion/NNP Software/NNP Inc/NNP ./. bought/VBD a/DT smaller/JJR competitor/NN ./.
Nearly/RB all/PDT the/DT proceeds/NNS will/MD fund/VB research/NN ./.
Analysts/NNS do/VBP not/RB expect/VB a/DT rival/NN bid/NN ./.
The/DT company/NN had/VBD $30/CD million/CD in/IN cash/NN at/IN year/NN end/NN ./.
More/JJR than/IN 40/CD employees/NNS joined/VBD the/DT combined/VBN group/NN ./.
)SAMPLE";

}  // namespace

const std::vector<TaggedSentence>& bundled_pos_sample() {
  static const std::vector<TaggedSentence> sample = [] {
    std::vector<TaggedSentence> sentences;
    const std::string text = kSampleText;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
      std::size_t line_end = text.find('\n', line_start);
      if (line_end == std::string::npos) line_end = text.size();
      const std::string line = text.substr(line_start, line_end - line_start);
      line_start = line_end + 1;
      if (line.empty()) continue;
      TaggedSentence sentence;
      std::size_t unit_start = 0;
      while (unit_start < line.size()) {
        std::size_t unit_end = line.find(' ', unit_start);
        if (unit_end == std::string::npos) unit_end = line.size();
        const std::string unit = line.substr(unit_start, unit_end - unit_start);
        unit_start = unit_end + 1;
        const std::size_t slash = unit.rfind('/');
        if (slash == std::string::npos || slash == 0 || slash + 1 == unit.size())
          throw std::logic_error("bad sample unit: " + unit);
        const std::string surface = unit.substr(0, slash);
        const std::string tag = unit.substr(slash + 1);
        if (pos_tag_id(tag) <= 0) throw std::logic_error("bad sample tag: " + tag);
        sentence.emplace_back(surface, tag);
      }
      sentences.push_back(std::move(sentence));
    }
    return sentences;
  }();
  return sample;
}

}  // namespace newsclf::preprocess
