"""Regenerate the bundled text fixtures under src/supertok/fixtures/.

Sentences come from small templates so the files are deterministic and
contain repeated collocations.
"""

import itertools
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "supertok" / "fixtures"

EN_SUBJECTS = ["I", "We", "They", "My parents", "The teachers", "Our neighbours",
               "The children", "The farmers", "My friends", "Most of the students"]
EN_ACTIVITIES = ["wake up early", "go for a walk in the park", "read one of the books",
                 "talk about the weather", "drink a cup of tea", "walk to the edge of the river",
                 "think about the future of the city", "count the number of birds"]
EN_TIMES = ["in the morning", "in the evening", "at the end of the day", "every day"]
EN_EXTRA = [
    "The café near the station serves naïve little pastries.",
    "One of the best ﬁlms of the year was shown in the town hall.",
    "The price was ５０ rupees for a cup of tea.",
    "Is this the end of the road? No, it is only the beginning!",
    "In 1947 the country became independent.",
    "She said: \"don't forget to wake up early in the morning.\"",
]

EN_PROSE = [
    "The river flows slowly past the old mill on the edge of the village.",
    "Most people in the town work in the fields during the harvest season.",
    "A large number of visitors arrive in the summer to see the temples.",
    "The library opens at nine and closes late in the evening.",
    "He forgot his umbrella, so he waited under the roof of the bus stop.",
    "Children learn quickly when they are curious about the world around them.",
    "The committee will publish its report at the end of the month.",
    "Fresh vegetables are sold in the market every morning.",
    "We watched the sunset from the top of the hill.",
    "The train was delayed because of heavy rain in the mountains.",
    "Grandmother tells wonderful stories about her childhood in the countryside.",
    "The doctor advised him to walk for thirty minutes every day.",
    "Our school organised a trip to the museum of natural history.",
    "The engineers repaired the bridge before the monsoon arrived.",
    "Many of the birds migrate south when the weather turns cold.",
    "The shopkeeper counted the coins twice before closing the drawer.",
    "A quiet garden can be one of the best places to read a book.",
    "The festival lights made the whole street glow after dark.",
    "She planted tomatoes, beans and chillies behind the house.",
    "The newspaper reported a sharp rise in the price of onions.",
    "Scientists measured the temperature of the lake at different depths.",
    "The orchestra practised the symphony for several weeks.",
    "My uncle repairs bicycles in a small workshop near the station.",
    "The students asked thoughtful questions after the lecture.",
    "During the storm the electricity failed across most of the district.",
    "The farmers hope for a good harvest in the coming year.",
    "An old map of the city hangs on the wall of the office.",
    "The cat slept peacefully in a patch of warm sunlight.",
    "Volunteers cleaned the beach on the first Sunday of the month.",
    "The bakery sells bread, biscuits and cakes to the whole neighbourhood.",
    "We discussed the results of the experiment over lunch.",
    "The mountain road twists through forests of pine and oak.",
    "He wrote a long letter to his sister who lives abroad.",
    "The painting shows a boat drifting on a calm blue sea.",
    "Every evening the fishermen return with baskets full of fish.",
    "The teacher explained the rules of the game very patiently.",
    "Heavy traffic slowed the ambulance on its way to the hospital.",
    "The village well provides clean water throughout the year.",
    "A gentle breeze carried the scent of jasmine through the window.",
    "The museum guide described the history of the ancient coins.",
]
HI_PROSE = [
    "गाँव के पास एक पुरानी नदी बहती है।",
    "गर्मियों में बहुत से पर्यटक मंदिर देखने आते हैं।",
    "पुस्तकालय सुबह नौ बजे खुलता है और शाम को देर से बंद होता है।",
    "बारिश के कारण रेलगाड़ी कई घंटे देर से पहुँची।",
    "दादी अपने बचपन की कहानियाँ बड़े प्यार से सुनाती हैं।",
    "डॉक्टर ने उन्हें रोज़ आधा घंटा टहलने की सलाह दी।",
    "हमारे विद्यालय ने संग्रहालय की यात्रा का आयोजन किया।",
    "मानसून से पहले इंजीनियरों ने पुल की मरम्मत कर दी।",
    "ठंड बढ़ने पर कई पक्षी दक्षिण की ओर उड़ जाते हैं।",
    "दुकानदार ने दराज़ बंद करने से पहले सिक्के दो बार गिने।",
    "त्योहार की रोशनी से पूरी गली जगमगा उठी।",
    "उसने घर के पीछे टमाटर, सेम और मिर्च के पौधे लगाए।",
    "अख़बार में प्याज़ के दामों में तेज़ बढ़ोतरी की ख़बर छपी।",
    "वैज्ञानिकों ने झील के पानी का तापमान अलग अलग गहराई पर मापा।",
    "मेरे चाचा स्टेशन के पास साइकिल ठीक करने की दुकान चलाते हैं।",
    "व्याख्यान के बाद छात्रों ने कई अच्छे प्रश्न पूछे।",
    "तूफ़ान के दौरान पूरे ज़िले में बिजली चली गई।",
    "किसान आने वाले वर्ष में अच्छी फ़सल की आशा करते हैं।",
    "दफ़्तर की दीवार पर शहर का एक पुराना नक्शा टँगा है।",
    "बिल्ली धूप में आराम से सो रही थी।",
    "स्वयंसेवकों ने महीने के पहले रविवार को समुद्र तट साफ़ किया।",
    "बेकरी पूरे मोहल्ले को रोटी, बिस्कुट और केक बेचती है।",
    "पहाड़ी सड़क चीड़ और बलूत के जंगलों से होकर गुज़रती है।",
    "उसने विदेश में रहने वाली अपनी बहन को लंबा पत्र लिखा।",
    "हर शाम मछुआरे मछलियों से भरी टोकरियाँ लेकर लौटते हैं।",
    "शिक्षक ने खेल के नियम बहुत धैर्य से समझाए।",
    "भारी यातायात के कारण एम्बुलेंस अस्पताल देर से पहुँची।",
    "गाँव का कुआँ पूरे साल साफ़ पानी देता है।",
    "खिड़की से चमेली की ख़ुशबू लेकर हल्की हवा आई।",
    "संग्रहालय के मार्गदर्शक ने प्राचीन सिक्कों का इतिहास बताया।",
]

HI_SUBJECTS = ["हम", "वे", "मेरे दोस्त", "बच्चे", "किसान", "शिक्षक", "हमारे पड़ोसी",
               "लोग", "छात्र", "मेरे भाई"]
HI_TIMES = ["सुबह", "शाम को", "रात में", "हर दिन", "रविवार को"]
HI_ACTIVITIES = ["पार्क में टहलते हैं", "चाय पीते हैं", "अख़बार पढ़ते हैं", "खेत में काम करते हैं",
                 "मंदिर जाते हैं", "गाना गाते हैं", "खाना बनाते हैं", "नदी के किनारे बैठते हैं",
                 "किताबें पढ़ते हैं", "बाज़ार जाते हैं"]
HI_EXTRA = [
    "भारत एक विशाल देश है।",
    "दिल्ली भारत की राजधानी है।",
    "गंगा नदी बहुत पवित्र मानी जाती है।",
    "आज मौसम बहुत अच्छा है।",
    "मेरी माँ खाना बना रही है।",
    "क्या तुम कल स्कूल आओगे?",
    "हमें अपने देश की संस्कृति पर गर्व है।",
    "नमस्ते, आप कैसे हैं?",
]

BN = [
    "আমি প্রতিদিন সকালে হাঁটতে যাই।",
    "আমরা বিকেলে চা খাই।",
    "শিশুরা মাঠে খেলা করছে।",
    "কৃষকেরা মাঠে কাজ করেন।",
    "আজ আবহাওয়া খুব ভালো।",
    "আমার মা রান্না করছেন।",
    "কলকাতা একটি বড় শহর।",
    "আমি বই পড়তে ভালোবাসি।",
    "নদীর ধারে অনেক গাছ আছে।",
    "আমরা সবাই মিলে কাজ করি।",
]

AS = [
    "মই প্ৰতিদিনে পুৱা খোজ কাঢ়িবলৈ যাওঁ।",
    "আমি গধূলি চাহ খাওঁ।",
    "ল'ৰা-ছোৱালীবোৰে পথাৰত খেলি আছে।",
    "আজি বতৰ বৰ ভাল।",
    "গুৱাহাটী এখন ডাঙৰ চহৰ।",
    "মই কিতাপ পঢ়ি ভাল পাওঁ।",
    "নৈৰ পাৰত বহুত গছ আছে।",
    "আমি সকলোৱে মিলি কাম কৰোঁ।",
    "কৃষকসকলে পথাৰত কাম কৰে।",
    "মোৰ মাকে ৰান্ধি আছে।",
]


def english():
    lines = [f"{s} {a} {t}." for s, a, t in itertools.product(EN_SUBJECTS, EN_ACTIVITIES, EN_TIMES)]
    return lines + EN_EXTRA + EN_PROSE


def hindi():
    lines = [f"{s} {t} {a}।" for s, t, a in itertools.product(HI_SUBJECTS, HI_TIMES, HI_ACTIVITIES)]
    return lines + HI_EXTRA + HI_PROSE


def write(name, lines):
    (OUT / name).write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write("eng.txt", english())
    write("hin.txt", hindi())
    write("ben.txt", BN)
    write("asm.txt", AS)
